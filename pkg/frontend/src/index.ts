export * from './types.js';
export * from './stream.js';
export * from './reminders.js';
export * from './findings.js';
export * from './messages.js';
export * from './app.js';
