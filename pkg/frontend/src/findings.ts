import type { Finding } from './types.js';

export const FINDINGS_POLL_MS = 5000;

export function groupByFile(findings: Finding[]): Map<string, Finding[]> {
  const groups = new Map<string, Finding[]>();
  for (const finding of findings) {
    const bucket = groups.get(finding.file);
    if (bucket) bucket.push(finding);
    else groups.set(finding.file, [finding]);
  }
  return groups;
}

export function prefillPrompt(finding: Finding): string {
  return `fix ${finding.rule_id} in ${finding.file}`;
}

export interface FindingsPanelOptions {
  // Clicking a finding prefills the prompt box; it is never auto-sent.
  promptInput: HTMLInputElement | HTMLTextAreaElement;
  stale?: boolean;
  snapshotAgeS?: number;
}

export function renderFindingsPanel(
  container: HTMLElement,
  findings: Finding[],
  options: FindingsPanelOptions,
): void {
  container.replaceChildren();

  if (options.stale) {
    const badge = document.createElement('span');
    badge.className = 'findings-stale';
    const age = options.snapshotAgeS;
    badge.textContent = age === undefined ? 'stale' : `stale (${Math.round(age)}s old)`;
    container.appendChild(badge);
  }

  if (findings.length === 0) {
    const empty = document.createElement('p');
    empty.className = 'findings-empty';
    empty.textContent = 'No accessibility findings.';
    container.appendChild(empty);
    return;
  }

  for (const [file, group] of groupByFile(findings)) {
    const section = document.createElement('section');
    section.className = 'findings-file';
    const heading = document.createElement('h3');
    heading.textContent = `${file} (${group.length})`;
    section.appendChild(heading);

    const list = document.createElement('ul');
    for (const finding of group) {
      const item = document.createElement('li');
      const button = document.createElement('button');
      button.className = 'finding-item';
      button.textContent = `${finding.rule_id}: ${finding.message}`;
      button.addEventListener('click', () => {
        options.promptInput.value = prefillPrompt(finding);
      });
      item.appendChild(button);
      list.appendChild(item);
    }
    section.appendChild(list);
    container.appendChild(section);
  }
}

export async function pollFindings(
  baseUrl: string,
  sessionId: string,
): Promise<{ findings: Finding[]; stale: boolean }> {
  try {
    const resp = await fetch(`${baseUrl}/sessions/${sessionId}/findings`);
    if (!resp.ok) throw new Error(`findings request failed: ${resp.status}`);
    return { findings: (await resp.json()) as Finding[], stale: false };
  } catch (err) {
    console.error('findings poll failed:', err);
    return { findings: [], stale: true };
  }
}
